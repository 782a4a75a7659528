public class Mixer {
    Sink sink = new Sink();

    void mix() {
        byte bt;
        short sh;
        char ch;
        int i;
        long l;
        float f;
        double d;
        boolean flag;
        sink.takeLong(bt);
        sink.takeLong(ch);
        sink.takeLong(d);
        sink.takeDouble(l);
        sink.takeInt(ch);
        sink.takeShort(ch);
        sink.takeShort(bt);
        sink.takeFloat(l);
        sink.takeChar(bt);
        sink.takeInt(i);
        sink.takeInt(flag);
        sink.takeDouble(f);
        sink.takeInt(sh);
        sink.takeFloat(d);
        sink.takeDouble(3);
        sink.takeLong(2.5f);
    }
}
